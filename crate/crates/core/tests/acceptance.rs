//! Acceptance suite: one PASS/FAIL line per criterion. Integer quantities are
//! compared exactly (tolerance 0); runtimes are checked against fixed budgets.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{cartan_by_radical_layers, fitting_multiplicities, projective_atoms, GroupFixture, GROUP_FIXTURES, SYLOW_FIXTURE};
use symrec_core::algebra::Algebra;
use symrec_core::bimodule::{induce, restrict, tensor_over, Bimodule};
use symrec_core::field::make_field;
use symrec_core::modules::{decompose_projectives, Module};
use symrec_core::reciprocity::{check_robinson_algebras, check_theorem, proof_chain, ReciprocityReport, Verdict};
use symrec_core::Error;

const THEOREM_BUDGET: Duration = Duration::from_secs(30);
const CHOP_BUDGET: Duration = Duration::from_secs(300);
const SYLOW_BUDGET: Duration = Duration::from_secs(600);
const ORACLE_MAX_DIM: usize = 60;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A named bimodule instance for the theorem checks.
struct Instance {
    name: String,
    m: Bimodule,
}

fn theorem_instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for fx in GROUP_FIXTURES {
        let b = fx.build();
        out.push(Instance { name: format!("{} restriction", fx.name), m: Bimodule::restriction(&b.kg, &b.kh).unwrap() });
        out.push(Instance { name: format!("{} regular kG", fx.name), m: Bimodule::regular(&b.kg) });
        let last = b.kh.simples().unwrap().len() - 1;
        out.push(Instance {
            name: format!("{} projective atoms", fx.name),
            m: projective_atoms(&b.kg, &b.kh, &[(0, 0), (b.kg.simples().unwrap().len() - 1, last), (0, last)]),
        });
    }
    let f = make_field(3, 1, None).unwrap();
    let m2 = Arc::new(Algebra::matrix_algebra(&f, 2));
    out.push(Instance { name: "M2(GF(3)) regular".into(), m: Bimodule::regular(&m2) });
    out
}

fn reports(instances: &[Instance]) -> Vec<(String, ReciprocityReport)> {
    instances.iter().map(|i| (i.name.clone(), check_theorem(&i.m).unwrap())).collect()
}

fn criterion_1(reps: &[(String, ReciprocityReport)], elapsed: Duration) -> Check {
    for (name, r) in reps {
        ensure(r.verdict == Verdict::Pass, || format!("{name}: verdict {:?}, notes {:?}", r.verdict, r.notes))?;
        ensure(r.l == r.r, || format!("{name}: L = {:?} but R = {:?}", r.l, r.r))?;
    }
    ensure(elapsed < THEOREM_BUDGET, || format!("took {elapsed:.2?}, budget {THEOREM_BUDGET:?}"))?;
    Ok(format!("{} instances pass with L = R in {elapsed:.2?} (budget {THEOREM_BUDGET:?})", reps.len()))
}

fn criterion_2(instances: &[Instance], reps: &[(String, ReciprocityReport)]) -> Check {
    let mut rows = 0;
    for (inst, (name, r)) in instances.iter().zip(reps) {
        let a = inst.m.left_algebra();
        let b = inst.m.right_algebra();
        let (ns, nt) = (a.simples().unwrap().len(), b.simples().unwrap().len());
        ensure(r.ledger.len() == ns * nt, || format!("{name}: ledger has {} rows, expected {}", r.ledger.len(), ns * nt))?;
        for row in &r.ledger {
            ensure(row.holds(), || format!("{name}: {:?}", row.first_violation()))?;
            rows += 1;
        }
        // the standalone per-pair check on the same instance
        for s in &a.simples().unwrap().simples {
            for t in &b.simples().unwrap().simples {
                proof_chain(s, t, &inst.m).map_err(|e| format!("{name}: {e}"))?;
            }
        }
    }
    Ok(format!("all four identities hold exactly on {rows} (S, T) pairs"))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let b = SYLOW_FIXTURE.build();
    let dims = b.kg.simples().map_err(|e| e.to_string())?.dims();
    let elapsed = start.elapsed();
    ensure(dims == vec![1, 1, 2, 2, 3, 3], || format!("simple dimensions {dims:?}"))?;
    ensure(elapsed < CHOP_BUDGET, || format!("took {elapsed:.2?}"))?;
    Ok(format!("simple dimensions {dims:?} in {elapsed:.2?} (budget {CHOP_BUDGET:?})"))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let b = SYLOW_FIXTURE.build();
    let r = check_robinson_algebras(&b.kg, &b.kh).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let nt = b.kh.simples().unwrap().len();
    ensure(r.verdict == Verdict::Pass, || format!("verdict {:?}", r.verdict))?;
    ensure(r.l == r.r, || format!("L = {:?}, R = {:?}", r.l, r.r))?;
    ensure(r.l.len() == 6 && r.l.iter().all(|row| row.len() == nt), || format!("L has shape {}x?", r.l.len()))?;
    ensure(elapsed < SYLOW_BUDGET, || format!("took {elapsed:.2?}"))?;
    Ok(format!("pass on a 6x{nt} grid, L = {:?}, in {elapsed:.2?} (budget {SYLOW_BUDGET:?})", r.l))
}

/// Modules of dimension at most 60 arising from a group fixture.
fn fixture_modules(fx: &GroupFixture) -> Vec<(String, Module)> {
    let b = fx.build();
    let mut out = Vec::new();
    let m = Bimodule::restriction(&b.kg, &b.kh).unwrap();
    let dual = m.dual();
    for (tag, alg) in [("G", &b.kg), ("H", &b.kh)] {
        let simples = alg.simples().unwrap();
        let pims = alg.pims().unwrap();
        out.push((format!("{tag} regular"), alg.regular_module()));
        for (i, s) in simples.simples.iter().enumerate() {
            out.push((format!("{tag} S{i}"), s.clone()));
            out.push((format!("{tag} P{i}"), pims.pims[i].module.clone()));
            let sum = Module::direct_sum(alg, &[s, &pims.pims[i].module, s]).unwrap();
            out.push((format!("{tag} S{i}+P{i}+S{i}"), sum));
        }
    }
    for (i, s) in b.kg.simples().unwrap().simples.iter().enumerate() {
        out.push((format!("S{i} (x) M"), tensor_over(s, &m).unwrap()));
        out.push((format!("Res S{i}"), restrict(s, &b.kh).unwrap()));
    }
    for (t, s) in b.kh.simples().unwrap().simples.iter().enumerate() {
        out.push((format!("T{t} (x) M*"), tensor_over(s, &dual).unwrap()));
        out.push((format!("Ind T{t}"), induce(s, &b.kg).unwrap()));
    }
    out.retain(|(_, m)| m.dim() <= ORACLE_MAX_DIM);
    out.into_iter().map(|(n, m)| (format!("{}: {n}", fx.name), m)).collect()
}

fn criterion_5() -> Check {
    let mut checked = 0;
    for fx in GROUP_FIXTURES.iter().chain([&SYLOW_FIXTURE]) {
        for (name, u) in fixture_modules(fx) {
            let d = decompose_projectives(&u).map_err(|e| format!("{name}: {e}"))?;
            let (mult, omega0) = fitting_multiplicities(&u);
            ensure(d.mult == mult && d.omega0_dim == omega0, || {
                format!("{name}: decompose {:?}/{} vs Fitting {mult:?}/{omega0}", d.mult, d.omega0_dim)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked}/{checked} modules agree with the Fitting oracle (100%)"))
}

fn criterion_6() -> Check {
    for fx in GROUP_FIXTURES.iter().chain([&SYLOW_FIXTURE]) {
        let b = fx.build();
        let r = check_robinson_algebras(&b.kg, &b.kh).map_err(|e| format!("{}: {e}", fx.name))?;
        let routes = r.routes.as_ref().ok_or("missing route check")?;
        ensure(routes.restriction == r.l && routes.induction == r.r && routes.agree, || {
            format!("{}: tensor L {:?} R {:?}, direct {:?} {:?}", fx.name, r.l, r.r, routes.restriction, routes.induction)
        })?;
    }
    Ok(format!("{} group fixtures: restriction/induction route matches L and R", GROUP_FIXTURES.len() + 1))
}

fn criterion_7() -> Check {
    let mut algebras: Vec<(String, Arc<Algebra>)> = Vec::new();
    for fx in GROUP_FIXTURES.iter().chain([&SYLOW_FIXTURE]) {
        let b = fx.build();
        algebras.push((format!("{} G", fx.name), b.kg));
        algebras.push((format!("{} H", fx.name), b.kh));
    }
    let f3 = make_field(3, 1, None).unwrap();
    algebras.push(("M2(GF(3))".into(), Arc::new(Algebra::matrix_algebra(&f3, 2))));
    for (name, a) in &algebras {
        let c = a.cartan_matrix().map_err(|e| format!("{name}: {e}"))?;
        if a.is_symmetric().unwrap() {
            for (i, row) in c.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    ensure(x == c[j][i], || format!("{name}: Cartan {c:?} not symmetric"))?;
                }
            }
        }
        let simples = a.simples().unwrap();
        let pims = a.pims().unwrap();
        let total: usize = pims.pims.iter().zip(&simples.simples).map(|(p, s)| p.module.dim() * s.dim()).sum();
        ensure(total == a.dim(), || format!("{name}: sum dim P(S) dim S = {total}, dim A = {}", a.dim()))?;
        if a.dim() <= 60 {
            let oracle = cartan_by_radical_layers(a);
            ensure(oracle == c, || format!("{name}: Cartan {c:?} vs radical layers {oracle:?}"))?;
        }
    }
    let ks3 = &algebras[0].1;
    let c = ks3.cartan_matrix().unwrap();
    ensure(c == vec![vec![2, 1], vec![1, 2]], || format!("kS3/GF(3) Cartan {c:?}"))?;
    ensure(cartan_by_radical_layers(ks3) == c, || "kS3 radical-layer oracle disagrees".into())?;
    Ok(format!("{} algebras: C = C^T, dim A = sum dim P(S) dim S; kS3/GF(3) Cartan {c:?}", algebras.len()))
}

fn negative_control() -> ReciprocityReport {
    let f = make_field(3, 1, None).unwrap();
    let t = Arc::new(Algebra::upper_triangular(&f, 2));
    check_theorem(&Bimodule::regular(&t)).unwrap()
}

fn criterion_8() -> Check {
    let f = make_field(3, 1, None).unwrap();
    let t = Algebra::upper_triangular(&f, 2);
    ensure(t.dim() == 3, || "upper triangular algebra has wrong dimension".into())?;
    ensure(t.symmetrizing_form() == Err(Error::NotSymmetric { certified: true }), || {
        format!("symmetrizing_form gave {:?}", t.symmetrizing_form())
    })?;
    let r = negative_control();
    ensure(matches!(r.verdict, Verdict::NotApplicable { .. }), || format!("verdict {:?}", r.verdict))?;
    ensure(!r.hypotheses.a_symmetric && r.hypotheses.a_symmetric_certified, || format!("{:?}", r.hypotheses))?;
    Ok("upper triangular 2x2 over GF(3): not applicable, A_symmetric = false (certified, exhaustive)".into())
}

fn full_suite_json() -> String {
    let mut out = Vec::new();
    for (name, r) in reports(&theorem_instances()) {
        out.push(serde_json::json!({ "instance": name, "report": r }));
    }
    let b = SYLOW_FIXTURE.build();
    out.push(serde_json::json!({ "instance": "N>P robinson", "report": check_robinson_algebras(&b.kg, &b.kh).unwrap() }));
    out.push(serde_json::json!({ "instance": "negative control", "report": negative_control() }));
    serde_json::to_string_pretty(&out).unwrap()
}

fn criterion_9() -> Check {
    let first = full_suite_json();
    let second = full_suite_json();
    ensure(first == second, || "reports differ between runs".into())?;
    Ok(format!("two seed-1 runs give byte-identical JSON ({} bytes)", first.len()))
}

fn run(n: usize, title: &str, f: impl FnOnce() -> Check) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    match outcome {
        Ok(msg) => {
            println!("criterion {n} PASS [{title}; tolerance 0]: {msg}");
            true
        }
        Err(msg) => {
            println!("criterion {n} FAIL [{title}; tolerance 0]: {msg}");
            false
        }
    }
}

fn main() {
    let start = Instant::now();
    let instances = theorem_instances();
    let reps = reports(&instances);
    let elapsed = start.elapsed();
    let results = [
        run(1, "theorem verification", || criterion_1(&reps, elapsed)),
        run(2, "proof-chain identities", || criterion_2(&instances, &reps)),
        run(3, "simples of the order-432 group algebra", criterion_3),
        run(4, "Sylow-scale reciprocity", criterion_4),
        run(5, "oracle equivalence", criterion_5),
        run(6, "route agreement", criterion_6),
        run(7, "structural sanity", criterion_7),
        run(8, "negative control", criterion_8),
        run(9, "determinism", criterion_9),
    ];
    let passed = results.iter().filter(|&&x| x).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
